using System.Collections.Generic;
using System.Data;

namespace Shop.Data.Entities
{
    public partial class Order
    {
        public int Id;
        public int CustomerId;
        public List<OrderLine> Lines = new List<OrderLine>();

        public Order(int customerId)
        {
            CustomerId = customerId;
        }

        public decimal Total
        {
            get { return EntityMath.Sum(Lines); }
        }

        public static Order FromReader(IDataReader reader)
        {
            var order = new Order(reader.GetInt32(1));
            order.Id = reader.GetInt32(0);
            return order;
        }
    }

    public class OrderLine
    {
        public string Sku;
        public int Quantity;
        public decimal UnitPrice;
    }
}
