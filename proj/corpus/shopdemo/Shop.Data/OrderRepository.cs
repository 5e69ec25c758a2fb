using System.Data;
using Shop.Data.Entities;

namespace Shop.Data
{
    public class OrderRepository
    {
        public void Insert(Order order)
        {
            using (IDbConnection conn = DbContextFactory.Open())
            {
                IDbCommand cmd = conn.CreateCommand();
                cmd.CommandText = "insert into Orders (CustomerId) values (@customerId)";
                cmd.ExecuteNonQuery();
            }
        }

        public Order FindById(int id)
        {
            using (IDbConnection conn = DbContextFactory.Open())
            {
                IDbCommand cmd = conn.CreateCommand();
                cmd.CommandText = "select * from Orders where Id = @id";
                return Order.FromReader(cmd.ExecuteReader());
            }
        }
    }
}
