using System.Data;
using System.Data.SqlClient;

namespace Shop.Data
{
    public static class DbContextFactory
    {
        private static string connectionString = "Server=.;Database=Shop;Trusted_Connection=True;";

        public static IDbConnection Open()
        {
            var connection = new SqlConnection(connectionString);
            connection.Open();
            return connection;
        }
    }
}
